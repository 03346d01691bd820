#ifndef DDOPT_SHA256_HPP
#define DDOPT_SHA256_HPP

#include <string>
#include <string_view>

namespace ddopt {

// SHA-256 of the input bytes, as a lowercase hex string. Used to stamp a content
// hash of the canonical config serialization into every output file.
std::string sha256_hex(std::string_view data);

}  // namespace ddopt

#endif
