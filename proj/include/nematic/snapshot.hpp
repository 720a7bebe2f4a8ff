#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nematic/grid.hpp"

namespace nematic {

// On-disk layout:
//   bytes 0..8   magic "NEMSNAP1\n"
//   uint64       header length L (little endian)
//   L bytes      JSON header: grid {dim, n, len}, time, config, arrays [{name, components, count}]
//   payload      float64 little endian, arrays in header order, node-major (components contiguous per node)
struct SnapshotArray {
  std::string name;
  int components = 1;
  std::vector<double> data;
};

struct Snapshot {
  Grid grid;
  double time = 0.0;
  nlohmann::json config = nlohmann::json::object();
  std::vector<SnapshotArray> arrays;

  template <class T>
  void add(const std::string& name, const Field<T>& f) {
    SnapshotArray a{name, Components<T>::count, {}};
    a.data.reserve(f.size() * Components<T>::count);
    for (const auto& x : f.data) {
      const double* p = Components<T>::ptr(x);
      a.data.insert(a.data.end(), p, p + Components<T>::count);
    }
    arrays.push_back(std::move(a));
  }

  const SnapshotArray& find(const std::string& name) const;

  template <class T>
  Field<T> field(const std::string& name) const {
    const SnapshotArray& a = find(name);
    if (a.components != Components<T>::count) throw InvalidInput("snapshot array '" + name + "' has wrong arity");
    Field<T> f(grid);
    for (std::size_t i = 0; i < f.size(); ++i) {
      double* p = Components<T>::ptr(f[i]);
      for (int c = 0; c < a.components; ++c) p[c] = a.data[i * a.components + c];
    }
    return f;
  }
};

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

// CSV of one array on the z = k plane: columns i, j, x, y, then one column per component.
void export_csv_slice(const std::string& path, const Snapshot& s, const std::string& array, int k = 0);

}  // namespace nematic
