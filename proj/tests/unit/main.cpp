#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include "mca/stack.hpp"

int main(int argc, char** argv) {
  return mca::run_with_large_stack([&] {
    doctest::Context ctx(argc, argv);
    return ctx.run();
  });
}
