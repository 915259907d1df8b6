#include <iostream>

#include "cohn/cli.hpp"

int main(int argc, char** argv) {
    return cohn::run_main(argc, argv, std::cout, std::cerr);
}
