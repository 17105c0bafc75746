#include <gtest/gtest.h>
#include "camfault/camfault.hpp"
TEST(Placeholder, Todo) { SUCCEED(); }
