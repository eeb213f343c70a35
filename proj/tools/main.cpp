#include "sdr/cli.hpp"

int main(int argc, char** argv) { return sdr::io::cli_main(argc, argv); }
