//
// afmvox - Copyright 2026 The afmvox Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "afmvox/cli.hpp"

int main(int argc, char** argv) { return afmvox::run_cli(argc, argv, std::cout, std::cerr); }
