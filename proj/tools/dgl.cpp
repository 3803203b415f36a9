// SPDX-License-Identifier: Apache-2.0
#include "dgl/cli.hpp"

int main(int argc, char** argv) { return dgl::cli::run(argc, argv); }
