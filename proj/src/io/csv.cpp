// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <ostream>
#include <sstream>

#include "pivring/errors.hpp"
#include "pivring/io.hpp"

namespace pivring {

void write_vector_csv(std::ostream& out, const VectorField& field, const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
  out << "window,cx,cy,dx,dy,peak\n";
  for (const auto& v : field.vectors) {
    const int i = v.window_index;
    const auto& o = field.grid.origins.at(static_cast<std::size_t>(i));
    // centres are integral for even window sizes; print .5 otherwise
    std::ostringstream row;
    row << i << ',' << (o.x + field.grid.window_size / 2.0) << ',' << (o.y + field.grid.window_size / 2.0) << ','
        << v.dx << ',' << v.dy << ',' << v.peak_value << '\n';
    out << row.str();
  }
}

void write_vector_csv(const std::filesystem::path& path, const VectorField& field,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_vector_csv(out, field, header);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    std::size_t start = cell.find_first_not_of(' ');
    cells.push_back(start == std::string::npos ? std::string() : cell.substr(start));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace pivring
