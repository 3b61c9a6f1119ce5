#include "banditlab/cli.hpp"

int main(int argc, char** argv) {
  return banditlab::cli::run_main(argc, argv);
}
