#include "sogdd/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "sogdd/errors.hpp"

namespace sogdd {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal.
  long next_number() {
    skip_blanks();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw FormatError("pgm: expected a number in header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) throw FormatError("pgm: header value out of range");
      ++pos_;
    }
    return value;
  }

  void skip_blanks() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // The binary payload starts after exactly one whitespace byte following maxval.
  std::size_t consume_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw FormatError("pgm: missing whitespace before raster");
    }
    return ++pos_;
  }

  std::size_t pos() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

 private:
  const std::vector<unsigned char>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("pgm: cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw FormatError("pgm: " + path.string() + " is not a P2/P5 graymap");
  }
  const bool binary = bytes[1] == '5';

  HeaderReader reader(bytes);
  reader.seek(2);
  const long width = reader.next_number();
  const long height = reader.next_number();
  const long maxval = reader.next_number();
  if (width < 1 || height < 1) throw FormatError("pgm: zero image dimension");
  if (maxval < 1 || maxval > 65535) throw FormatError("pgm: maxval must be in [1, 65535]");
  if (width * height > (1L << 30)) throw FormatError("pgm: image too large");

  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(count);

  if (binary) {
    const std::size_t start = reader.consume_single_whitespace();
    const std::size_t bps = maxval > 255 ? 2 : 1;
    if (bytes.size() - start < count * bps) {
      throw IoError("pgm: truncated raster in " + path.string());
    }
    const unsigned char* p = bytes.data() + start;
    for (std::size_t i = 0; i < count; ++i) {
      data[i] = bps == 1 ? p[i] : static_cast<double>((p[2 * i] << 8) | p[2 * i + 1]);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      reader.skip_blanks();
      if (reader.pos() >= bytes.size()) throw IoError("pgm: truncated raster in " + path.string());
      data[i] = static_cast<double>(reader.next_number());
    }
  }
  if (std::any_of(data.begin(), data.end(), [&](double v) { return v > maxval; })) {
    throw FormatError("pgm: sample exceeds maxval");
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

unsigned char to_byte(double v) noexcept {
  return static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L));
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("pgm: cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<unsigned char> raster(img.size());
  std::transform(img.data().begin(), img.data().end(), raster.begin(), to_byte);
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw IoError("pgm: write failed for " + path.string());
}

}  // namespace sogdd
