#include "hyperac/io.hpp"

int main(int argc, char** argv) { return hyperac::io::cli_main(argc, argv); }
