#include "matball/cli.hpp"

int main(int argc, char** argv) { return matball::main_entry(argc, argv); }
