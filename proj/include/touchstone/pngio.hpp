#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace touchstone::png {

// Minimal PNG encoder (8-bit RGB, stored-deflate zlib stream). The
// simulator only needs small, valid, deterministic screenshot assets;
// compression is irrelevant at that scale.
std::vector<unsigned char> encode_rgb(int width, int height,
                                      const std::vector<unsigned char>& rgb);

// Solid-color swatch whose color is derived from a seed string, so
// distinct screens get distinct image content.
std::vector<unsigned char> solid_swatch(int width, int height,
                                        std::string_view seed);

}  // namespace touchstone::png
