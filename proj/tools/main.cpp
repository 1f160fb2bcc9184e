#include "multdet/cli.hpp"

int main(int argc, char** argv) { return multdet::main_entry(argc, argv); }
