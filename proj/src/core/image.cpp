#include "gauntlet/core/image.hpp"

#include <cctype>
#include <fstream>
#include <iterator>

#include "gauntlet/core/error.hpp"

namespace gauntlet {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height, fill) {
  if (width < 0 || height < 0) throw FormatError("negative image dimensions");
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0 || pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw FormatError("pixel buffer does not match image dimensions");
  }
}

std::string encode_pgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  out.append(image.pixels().begin(), image.pixels().end());
  return out;
}

namespace {

// Reads one header integer, skipping whitespace and '#' comments.
int read_header_int(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const auto c = static_cast<unsigned char>(bytes[pos]);
    if (std::isspace(c)) {
      ++pos;
    } else if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  if (pos >= bytes.size() || !std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError("PGM: expected integer in header");
  }
  long value = 0;
  while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 1 << 20) throw FormatError("PGM: header value out of range");
    ++pos;
  }
  return static_cast<int>(value);
}

}  // namespace

GrayImage decode_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') throw FormatError("PGM: missing P5 magic");
  std::size_t pos = 2;
  const int width = read_header_int(bytes, pos);
  const int height = read_header_int(bytes, pos);
  const int maxval = read_header_int(bytes, pos);
  if (maxval != 255) throw FormatError("PGM: only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw FormatError("PGM: missing separator after header");
  }
  ++pos;
  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() - pos != count) throw FormatError("PGM: pixel data length mismatch");
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return GrayImage(width, height, std::move(pixels));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  const std::string data = encode_pgm(image);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_pgm(data);
}

}  // namespace gauntlet
