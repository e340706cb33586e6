// Copyright 2026 The pivring Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "pivring/errors.hpp"
#include "pivring/io.hpp"

namespace pivring {

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      if (!token.empty()) return token;
    } else {
      token.push_back(static_cast<char>(c));
    }
    c = in.get();
  }
  if (token.empty()) throw InputError("truncated PGM header");
  return token;
}

int header_int(std::istream& in, const char* what) {
  const std::string tok = header_token(in);
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || value <= 0) throw InputError(std::string("bad PGM ") + what + " '" + tok + "'");
  return value;
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') throw InputError("not a binary PGM (expected magic P5)");
  const int width = header_int(in, "width");
  const int height = header_int(in, "height");
  const int maxval = header_int(in, "maxval");
  if (maxval > 65535) throw InputError("PGM maxval " + std::to_string(maxval) + " out of range");
  // header_token consumed exactly one whitespace byte after maxval

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t bytes_per_px = maxval < 256 ? 1 : 2;
  std::string raw(count * bytes_per_px, '\0');
  in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw InputError("truncated PGM pixel data");

  std::vector<Intensity> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    unsigned v = 0;
    if (bytes_per_px == 1) {
      v = static_cast<unsigned char>(raw[i]);
    } else {
      v = (static_cast<unsigned>(static_cast<unsigned char>(raw[2 * i])) << 8) |
          static_cast<unsigned char>(raw[2 * i + 1]);
    }
    if (v > kMaxIntensity) {
      throw InputError("PGM value " + std::to_string(v) + " at pixel " + std::to_string(i) + " exceeds 1023");
    }
    data[i] = static_cast<Intensity>(v);
  }
  return GrayImage(width, height, std::move(data));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n" << kMaxIntensity << "\n";
  std::string raw;
  raw.reserve(img.size() * 2);
  for (Intensity v : img.data()) {
    raw.push_back(static_cast<char>(v >> 8));
    raw.push_back(static_cast<char>(v & 0xFF));
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_pgm(out, img);
  if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace pivring
