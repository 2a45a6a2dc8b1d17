// Copyright (C) 2026 facekit authors
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) { return facekit::cli::run(argc, argv, std::cout, std::cerr); }
