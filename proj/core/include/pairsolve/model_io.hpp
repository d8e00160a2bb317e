// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model_io.hpp
 * @brief JSON model files.
 *
 * A document has a "type" field:
 *   - "general":     {"n_levels", "eps": [...], "v1": [[...]], "v2": [[...]]}
 *   - "integrable":  {"family", "g", "epsilon": [...], "eta": [...]}
 *   - "reduced_bcs": {"eps": [...], "G"}
 *
 * Matrices are row-major arrays of rows. Integrable documents load
 * unexpanded; reduced_bcs documents load as the expanded PairingModel.
 * Numbers are written in shortest round-trip form, so save/load is bit-exact.
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "pairsolve/model.hpp"

namespace pairsolve {

using ModelDocument = std::variant<PairingModel, IntegrableSpec>;

/// Throws SchemaError (with a JSON-pointer style field path) or InvariantViolation.
ModelDocument load_model(std::string_view document);
ModelDocument load_model_file(const std::filesystem::path& path);

std::string save_model(const PairingModel& model);
std::string save_model(const IntegrableSpec& spec);
std::string save_model(const ModelDocument& doc);

/// Integrable specs go through build_integrable; general models pass through.
PairingModel expand(const ModelDocument& doc);

}  // namespace pairsolve
