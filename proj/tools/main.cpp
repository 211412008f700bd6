#include "cli.hpp"

int main(int argc, char** argv) { return nbpr::cli::cli_main(argc, argv); }
