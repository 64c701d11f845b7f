#include <bijumble/cli.hpp>

auto main(int argc, char ** argv) -> int
{
    return bijumble::run_cli(argc, argv);
}
