#pragma once

#include <filesystem>

#include "paedgl/model.hpp"

namespace paedgl {

// Versioned binary container: dims, flags, vocabulary, then every named
// tensor in registration order.  Round-trips bit-exactly.
void save_checkpoint(const Model& model, const std::filesystem::path& path);
Model load_checkpoint(const std::filesystem::path& path);

}  // namespace paedgl
