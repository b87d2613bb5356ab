#include "gnebench/cli.hpp"

int main(int argc, char** argv) { return gne::cli_main(argc, argv); }
