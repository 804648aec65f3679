#pragma once

#include <string>

#ifndef SKI_TEST_DESIGN_DIR
#define SKI_TEST_DESIGN_DIR "data/designs"
#endif

inline std::string design_dir() { return SKI_TEST_DESIGN_DIR; }
