#include "sifs/cli.hpp"

int main(int argc, char** argv) { return sifs::run_cli(argc, argv); }
