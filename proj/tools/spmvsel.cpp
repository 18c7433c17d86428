#include <iostream>
#include <string>
#include <vector>

#include "spmvsel/cli.hpp"

int main(int argc, char** argv) {
    return spmvsel::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
