#include <string>
#include <vector>

#include "embeig/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return embeig::cli::run(args);
}
