#include "blockage/cli.hpp"

int main(int argc, char** argv) { return blockage::cli::run(argc, argv); }
