#include "ere/atlas.hpp"

int main(int argc, char** argv) { return ere::cli_main(argc, argv); }
