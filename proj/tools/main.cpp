// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

int main(int argc, char** argv) { return btspec::cli::run(argc, argv); }
