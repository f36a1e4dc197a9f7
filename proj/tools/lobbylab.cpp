#include "lobby/cli.hpp"

int main(int argc, char** argv) { return lobby::cli::main(argc, argv); }
