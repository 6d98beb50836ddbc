#include "dynopt/cli/cli.hpp"

int main(int argc, char** argv)
{
    return dynopt::cli::main_entry(argc, argv);
}
