#include "eegscore/cli.hpp"

int main(int argc, char** argv) { return eegscore::cli_main(argc, argv); }
