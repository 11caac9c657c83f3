#pragma once

#include <string>

#include <json.hpp>

#include "framelab/frame.hpp"

namespace framelab {

// Frame file layout:
//   {"field": "real"|"complex", "dim": n,
//    "weights": [w...],                (optional; defaults to ones)
//    "vectors": [[entry...], ...],     (one row per frame vector)
//    "label": "free text"}             (optional)
// A real entry is a number; a complex entry is [re, im].
FrameSpec frame_from_json(const nlohmann::json& j);
nlohmann::json frame_to_json(const FrameSpec& frame);

FrameSpec parse_frame_text(const std::string& text);
FrameSpec load_frame_file(const std::string& path);
void write_frame_file(const FrameSpec& frame, const std::string& path);

// JSON value for one vector, matching the frame entry convention.
nlohmann::json vector_to_json(const Vec& x, Field field);
Vec vector_from_json(const nlohmann::json& j, Field field);

// Vector literal "(1, 0+1i)"; complex entries are re+imi, real entries plain
// numbers. A real-field literal must not contain imaginary parts.
Vec parse_vector_literal(const std::string& text, Field field);

// One row per index: j, mu_j, |<x, x_j>| (unweighted magnitude).
std::string magnitudes_csv(const FrameSpec& frame, const Vec& x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace framelab
