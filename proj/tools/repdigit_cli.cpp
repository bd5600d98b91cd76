#include "repdigit/cli.hpp"

int main(int argc, char** argv) { return repdigit::run(argc, argv); }
