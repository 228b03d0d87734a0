#include <iostream>
#include <string>
#include <vector>

#include "dualmeet/cli.hpp"

int main(int argc, char** argv) {
  return dualmeet::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
