#include "nematic/snapshot.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace nematic {

namespace {

constexpr char kMagic[] = "NEMSNAP1\n";
constexpr std::size_t kMagicLen = 9;

nlohmann::json grid_json(const Grid& g) {
  return {{"dim", g.dim}, {"n", {g.n[0], g.n[1], g.n[2]}}, {"len", {g.len[0], g.len[1], g.len[2]}}};
}

}  // namespace

const SnapshotArray& Snapshot::find(const std::string& name) const {
  for (const auto& a : arrays)
    if (a.name == name) return a;
  throw InvalidInput("snapshot has no array '" + name + "'");
}

void write_snapshot(const std::string& path, const Snapshot& s) {
  nlohmann::json h;
  h["format"] = "nematic-snapshot";
  h["version"] = 1;
  h["grid"] = grid_json(s.grid);
  h["time"] = s.time;
  h["config"] = s.config;
  h["arrays"] = nlohmann::json::array();
  for (const auto& a : s.arrays) {
    if (a.data.size() != s.grid.size() * std::size_t(a.components))
      throw InvalidInput("snapshot array '" + a.name + "' does not match the grid");
    h["arrays"].push_back({{"name", a.name}, {"components", a.components}, {"count", s.grid.size()}});
  }
  const std::string header = h.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  out.write(kMagic, kMagicLen);
  const std::uint64_t len = header.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(header.data(), std::streamsize(header.size()));
  for (const auto& a : s.arrays)
    out.write(reinterpret_cast<const char*>(a.data.data()), std::streamsize(a.data.size() * sizeof(double)));
  if (!out) throw Error("write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open snapshot '" + path + "'");
  char magic[kMagicLen];
  in.read(magic, kMagicLen);
  if (!in || std::memcmp(magic, kMagic, kMagicLen) != 0) throw InvalidInput("'" + path + "' is not a snapshot file");
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  std::string header(len, '\0');
  in.read(header.data(), std::streamsize(len));
  if (!in) throw InvalidInput("truncated snapshot header in '" + path + "'");
  const auto h = nlohmann::json::parse(header);
  Snapshot s;
  const auto& g = h.at("grid");
  s.grid.dim = g.at("dim").get<int>();
  for (int d = 0; d < 3; ++d) {
    s.grid.n[d] = g.at("n").at(d).get<int>();
    s.grid.len[d] = g.at("len").at(d).get<double>();
  }
  s.time = h.at("time").get<double>();
  s.config = h.value("config", nlohmann::json::object());
  for (const auto& a : h.at("arrays")) {
    SnapshotArray arr;
    arr.name = a.at("name").get<std::string>();
    arr.components = a.at("components").get<int>();
    arr.data.resize(s.grid.size() * std::size_t(arr.components));
    in.read(reinterpret_cast<char*>(arr.data.data()), std::streamsize(arr.data.size() * sizeof(double)));
    if (!in) throw InvalidInput("truncated snapshot payload in '" + path + "'");
    s.arrays.push_back(std::move(arr));
  }
  return s;
}

void export_csv_slice(const std::string& path, const Snapshot& s, const std::string& array, int k) {
  const SnapshotArray& a = s.find(array);
  if (k < 0 || k >= s.grid.n[2]) throw InvalidInput("slice index out of range");
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw InvalidInput("cannot open '" + path + "' for writing");
  std::fprintf(f, "i,j,x,y");
  for (int c = 0; c < a.components; ++c) std::fprintf(f, ",%s%d", array.c_str(), c);
  std::fprintf(f, "\n");
  for (int i = 0; i < s.grid.n[0]; ++i)
    for (int j = 0; j < s.grid.n[1]; ++j) {
      const std::size_t idx = s.grid.index(i, j, k);
      std::fprintf(f, "%d,%d,%.17g,%.17g", i, j, s.grid.coord(0, i), s.grid.coord(1, j));
      for (int c = 0; c < a.components; ++c) std::fprintf(f, ",%.17g", a.data[idx * a.components + c]);
      std::fprintf(f, "\n");
    }
  std::fclose(f);
}

}  // namespace nematic
