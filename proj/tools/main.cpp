#include "imgnn/cli.hpp"

int main(int argc, char** argv) { return imgnn::run_cli(argc, argv); }
