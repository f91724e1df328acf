#include "commands.hpp"

int main(int argc, char** argv) { return slag::cli::dispatch(argc, argv); }
