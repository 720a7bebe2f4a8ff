#pragma once

#include <string>
#include <vector>

int run_cli(int argc, char** argv);

// Same as above with the program name omitted.
int run_cli(const std::vector<std::string>& args);
