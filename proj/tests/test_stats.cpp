#include "doctest.h"

TEST_SUITE_BEGIN("stats");
TEST_SUITE_END();
