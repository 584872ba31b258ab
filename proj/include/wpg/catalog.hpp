#pragma once

#include <string>
#include <vector>

#include "wpg/manifest.hpp"

namespace wpg {

/// Names of the built-in manifolds; "random-{seed}" is accepted in addition to these.
std::vector<std::string> catalog_names();

/// Throws InvalidArgument for an unknown name.
Manifest catalog(const std::string& name);

}  // namespace wpg
