#include "idpm/cli/cli.hpp"

int main(int argc, char** argv) {
    return idpm::cli::run_cli(argc, argv);
}
