#include "flexcert/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return flexcert::run_command_line(args, std::cout, std::cerr);
}
