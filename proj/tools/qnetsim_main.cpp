// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "qnetsim/cli.hpp"

int main(int argc, char** argv) { return qnetsim::cli_main(argc, argv, std::cout, std::cerr); }
