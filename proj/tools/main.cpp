#include "qtherm/cli.hpp"

int main(int argc, char** argv) { return qtherm::run_cli(argc, argv); }
