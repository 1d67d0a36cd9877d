// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "cubepack/cli.hpp"

int main(int argc, char** argv) { return cubepack::cli::run_cli(argc, argv, std::cout, std::cerr); }
