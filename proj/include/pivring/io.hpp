// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pivring/field.hpp"
#include "pivring/image.hpp"

namespace pivring {

/// Binary PGM (P5). 8-bit and 16-bit (big-endian) files are accepted;
/// values above 1023 are rejected with InputError.
GrayImage read_pgm(const std::filesystem::path& path);
GrayImage read_pgm(std::istream& in);

/// Always writes 16-bit P5 with maxval 1023.
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
void write_pgm(std::ostream& out, const GrayImage& img);

/// Header lines are written as "# <line>" before the column header.
void write_vector_csv(std::ostream& out, const VectorField& field, const std::vector<std::string>& header = {});
void write_vector_csv(const std::filesystem::path& path, const VectorField& field,
                      const std::vector<std::string>& header = {});

/// Splits one CSV line on commas (no quoting; none of our formats need it).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace pivring
