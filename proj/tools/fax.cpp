#include <iostream>

#include "fax/cli.hpp"

int main(int argc, char** argv) {
    return fax::cli::run(argc, argv, std::cout, std::cerr);
}
