#include "doctest.h"

TEST_SUITE_BEGIN("sampling");
TEST_SUITE_END();
