#include <isog4/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return isog4::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
