#include "touchstone/pngio.hpp"

#include <array>
#include <cstddef>

#include "touchstone/util.hpp"

namespace touchstone::png {

namespace {

std::uint32_t crc32(std::span<const unsigned char> bytes) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t n = 0; n < 256; ++n) {
      std::uint32_t c = n;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[n] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (unsigned char b : bytes) crc = table[(crc ^ b) & 0xFF] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

std::uint32_t adler32(std::span<const unsigned char> bytes) {
  std::uint32_t a = 1, b = 0;
  for (unsigned char c : bytes) {
    a = (a + c) % 65521;
    b = (b + a) % 65521;
  }
  return (b << 16) | a;
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back((v >> 24) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back(v & 0xFF);
}

void put_chunk(std::vector<unsigned char>& out, const char type[4],
               const std::vector<unsigned char>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  std::vector<unsigned char> body(type, type + 4);
  body.insert(body.end(), data.begin(), data.end());
  out.insert(out.end(), body.begin(), body.end());
  put_u32(out, crc32(body));
}

// zlib container with stored (uncompressed) deflate blocks.
std::vector<unsigned char> zlib_store(const std::vector<unsigned char>& raw) {
  std::vector<unsigned char> out{0x78, 0x01};
  constexpr std::size_t kMaxBlock = 65535;
  std::size_t offset = 0;
  do {
    std::size_t len = std::min(kMaxBlock, raw.size() - offset);
    bool final = offset + len == raw.size();
    out.push_back(final ? 1 : 0);
    out.push_back(len & 0xFF);
    out.push_back((len >> 8) & 0xFF);
    out.push_back(~len & 0xFF);
    out.push_back((~len >> 8) & 0xFF);
    out.insert(out.end(), raw.begin() + static_cast<std::ptrdiff_t>(offset),
               raw.begin() + static_cast<std::ptrdiff_t>(offset + len));
    offset += len;
  } while (offset < raw.size());
  put_u32(out, adler32(raw));
  return out;
}

}  // namespace

std::vector<unsigned char> encode_rgb(int width, int height,
                                      const std::vector<unsigned char>& rgb) {
  std::vector<unsigned char> raw;
  raw.reserve(static_cast<std::size_t>(height) * (1 + 3 * width));
  for (int y = 0; y < height; ++y) {
    raw.push_back(0);  // filter: none
    const unsigned char* row = rgb.data() + static_cast<std::size_t>(y) * width * 3;
    raw.insert(raw.end(), row, row + 3 * width);
  }

  std::vector<unsigned char> out{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  std::vector<unsigned char> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(width));
  put_u32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", zlib_store(raw));
  put_chunk(out, "IEND", {});
  return out;
}

std::vector<unsigned char> solid_swatch(int width, int height,
                                        std::string_view seed) {
  std::uint64_t h = util::fnv1a64(seed);
  unsigned char r = static_cast<unsigned char>(h & 0xFF);
  unsigned char g = static_cast<unsigned char>((h >> 8) & 0xFF);
  unsigned char b = static_cast<unsigned char>((h >> 16) & 0xFF);
  std::vector<unsigned char> rgb(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < rgb.size(); i += 3) {
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }
  return encode_rgb(width, height, rgb);
}

}  // namespace touchstone::png
