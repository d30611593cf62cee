#include "modcoh/cli.hpp"

int main(int argc, char** argv) { return modcoh::cli_main(argc, argv); }
