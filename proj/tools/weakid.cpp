#include <iostream>
#include <string>
#include <vector>

#include "weakid/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return weakid::run_weakid(std::move(args), std::cout, std::cerr);
}
