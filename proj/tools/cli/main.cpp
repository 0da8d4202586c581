// main.cpp — corepol executable

#include <iostream>
#include <string>
#include <vector>

#include "run.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return corepol::cli::main_entry(args, std::cout, std::cerr);
}
