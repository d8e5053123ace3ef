#include "hph/cli.hpp"

int main(int argc, char** argv)
{
    return hph::run_cli(argc, argv);
}
