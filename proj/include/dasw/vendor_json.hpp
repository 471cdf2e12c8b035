#pragma once

// nlohmann/json, resolved from the vendored copy or a system install.
#if __has_include(<json.hpp>)
#include <json.hpp>
#else
#include <nlohmann/json.hpp>
#endif
