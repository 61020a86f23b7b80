#include "usolab/cli.hpp"

int main(int argc, char** argv) { return usolab::run_cli(argc, argv); }
