#include "affect/cli.hpp"

int main(int argc, char** argv) { return affect::run_cli(argc, argv); }
