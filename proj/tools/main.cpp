#include "linkmorse/cli.hpp"

int main(int argc, char** argv) { return linkmorse::run_cli(argc, argv); }
