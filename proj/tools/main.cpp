#include "recmech/cli.hpp"

int main(int argc, char** argv) { return recmech::cli_main(argc, argv); }
