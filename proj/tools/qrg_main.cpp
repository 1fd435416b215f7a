#include "qrg/cli.hpp"

int main(int argc, char** argv) { return qrg::cli_main(argc, argv); }
