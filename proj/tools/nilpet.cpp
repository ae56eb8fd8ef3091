#include "nilpet/cli.hpp"

int main(int argc, char** argv) { return nilpet::run_cli(argc, argv); }
