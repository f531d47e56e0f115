#pragma once

#include <gtest/gtest.h>

#include "lorhelix/error.hpp"

#define EXPECT_LORHELIX_ERROR(stmt, expected)                                 \
  do {                                                                        \
    try {                                                                     \
      stmt;                                                                   \
      ADD_FAILURE() << "expected " << ::lorhelix::to_string(expected);        \
    } catch (const ::lorhelix::Error& e_) {                                   \
      EXPECT_EQ(e_.code(), expected) << e_.what();                            \
    }                                                                         \
  } while (0)
