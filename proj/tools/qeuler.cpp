// Copyright (c) 2026 The qeuler authors
// SPDX-License-Identifier: Apache-2.0

#include "qeuler/cli.hpp"

int main(int argc, char** argv) { return qeuler::cli::run(argc, argv); }
