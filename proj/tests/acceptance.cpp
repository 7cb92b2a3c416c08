// Acceptance suite: every check at its full bound, one PASS/FAIL line each.

#include <iostream>

#include "dybe/verify.hpp"

int main() {
  dybe::verify::Settings st;
  return dybe::verify::run_all(st, std::cout) ? 0 : 1;
}
