#include <string>
#include <vector>

#include "nbscma/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nbscma::run_cli(args);
}
