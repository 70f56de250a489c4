#include "mtbe/cli.hpp"

int main(int argc, char** argv) { return mtbe::cli_main(argc, argv); }
