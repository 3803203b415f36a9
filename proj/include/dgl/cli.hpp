// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace dgl::cli {

// Front end behind the `dgl` tool. Exit codes: 0 success, 1 validation
// error, 2 solver failure, 3 assertion failure (a guaranteed inequality
// violated, which signals a bug).
int run(int argc, const char* const* argv);

} // namespace dgl::cli
