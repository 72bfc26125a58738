#include <iostream>

#include "twosample/cli.hpp"

int main(int argc, char** argv) {
    return twosample::run_cli(argc, argv, std::cout, std::cerr);
}
