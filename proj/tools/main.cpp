#include <iostream>
#include <string>
#include <vector>

#include "noisefilter/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return noisefilter::cli::run(args, std::cout, std::cerr);
}
