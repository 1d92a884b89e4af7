// SPDX-License-Identifier: Apache-2.0
#include "migmap/cli.hpp"

int main(int argc, char** argv) {
  return migmap::cli::run(argc, argv);
}
