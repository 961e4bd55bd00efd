#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wavelab/rng.hpp"
#include "wavelab/wepcrypt.hpp"

using namespace wavelab;

TEST(Rc4, KnownAnswerKeyPlaintext) {
  Bytes ks = rc4_keystream(to_bytes("Key"), 9);
  Bytes c = xor_bytes(ks, to_bytes("Plaintext"));
  EXPECT_EQ(to_hex(c), "bbf316e8d940af0ad3");
  EXPECT_EQ(c, xor_bytes(oracle::rc4(to_bytes("Key"), 9), to_bytes("Plaintext")));
}

TEST(Rc4, MatchesIndependentOracle) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Bytes seed = rng.bytes(1 + rng.below(256));
    std::size_t n = rng.below(300);
    ASSERT_EQ(rc4_keystream(seed, n), oracle::rc4(seed, n));
  }
}

TEST(Rc4, EdgeCases) {
  EXPECT_TRUE(rc4_keystream(to_bytes("k"), 0).empty());
  EXPECT_EQ(rc4_keystream(to_bytes("seed"), 64), rc4_keystream(to_bytes("seed"), 64));
  EXPECT_THROW(rc4_keystream(Bytes{}, 4), Error);
  EXPECT_THROW(rc4_keystream(Bytes(257, 1), 4), Error);
  EXPECT_NO_THROW(rc4_keystream(Bytes(256, 1), 4));
}

TEST(Crc, KnownAnswers) {
  EXPECT_EQ(crc32(to_bytes("123456789")), 0xCBF43926u);
  EXPECT_EQ(oracle::crc32(to_bytes("123456789")), 0xCBF43926u);
  auto icv = crc32_icv(to_bytes("123456789"));
  EXPECT_EQ(to_hex(icv), "2639f4cb");  // 0xCBF43926, low octet first
  EXPECT_EQ(crc32(Bytes{}), 0u);
  EXPECT_EQ(oracle::crc32(Bytes{}), 0u);
}

TEST(Crc, MatchesBitwiseOracle) {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    Bytes d = rng.bytes(rng.below(200));
    ASSERT_EQ(crc32(d), oracle::crc32(d));
  }
}

TEST(Crc, AffineOverXor) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    std::size_t n = rng.below(100);
    Bytes a = rng.bytes(n), b = rng.bytes(n), z(n, 0);
    std::uint32_t lhs = crc32(xor_bytes(xor_bytes(a, b), z));
    ASSERT_EQ(lhs, crc32(a) ^ crc32(b) ^ crc32(z));
  }
}

TEST(WepKey, Lengths) {
  EXPECT_NO_THROW(WepKey(Bytes(5, 1)));
  EXPECT_NO_THROW(WepKey(Bytes(13, 1)));
  EXPECT_THROW(WepKey(Bytes(6, 1)), Error);
  EXPECT_THROW(WepKey::from_hex("0011"), Error);
  EXPECT_EQ(WepKey::from_hex("0102030405").hex(), "0102030405");
}

TEST(Seal, ZeroKeyZeroIvOneByteByHand) {
  WepKey key(Bytes(5, 0));
  WepEnvelope env = wep_seal(key, {0, 0, 0}, Bytes{0x00});
  Bytes ks = oracle::rc4(Bytes(8, 0), 5);
  Bytes padded = {0x00};
  Bytes icv = oracle::icv_le(padded);
  padded.insert(padded.end(), icv.begin(), icv.end());
  EXPECT_EQ(env.ciphertext, xor_bytes(ks, padded));
  EXPECT_EQ(env.ciphertext, oracle::wep({0, 0, 0}, Bytes(5, 0), {0x00}));
}

TEST(Seal, RoundTripRandomized) {
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    WepKey key(rng.bytes(rng.below(2) ? 5 : 13));
    Iv iv{rng.byte(), rng.byte(), rng.byte()};
    Bytes p = rng.bytes(1 + rng.below(200));
    WepEnvelope env = wep_seal(key, iv, p);
    ASSERT_EQ(env.ciphertext, oracle::wep(Bytes(iv.begin(), iv.end()), key.secret(), p));
    ASSERT_EQ(wep_open(key, env), p);
  }
}

TEST(Seal, KeystreamReuse) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    WepKey key(rng.bytes(5));
    Iv iv{rng.byte(), rng.byte(), rng.byte()};
    Bytes p1 = rng.bytes(1 + rng.below(64)), p2 = rng.bytes(1 + rng.below(64));
    Bytes lhs = xor_bytes(wep_seal(key, iv, p1).ciphertext, wep_seal(key, iv, p2).ciphertext);
    ASSERT_EQ(lhs, xor_bytes(with_icv(p1), with_icv(p2)));
  }
}

TEST(Open, BitFlipWithoutPatchFails) {
  Rng rng(6);
  WepKey key(rng.bytes(5));
  for (int i = 0; i < 500; ++i) {
    WepEnvelope env = wep_seal(key, {rng.byte(), rng.byte(), rng.byte()}, rng.bytes(1 + rng.below(50)));
    env.ciphertext[rng.below(env.payload_size())] ^= static_cast<std::uint8_t>(1u << rng.below(8));
    try {
      wep_open(key, env);
      FAIL() << "tampered envelope accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::IcvMismatch);
    }
  }
}

TEST(Open, WrongKeyFails) {
  WepKey a(Bytes{1, 2, 3, 4, 5}), b(Bytes{1, 2, 3, 4, 6});
  EXPECT_THROW(wep_open(b, wep_seal(a, {9, 9, 9}, to_bytes("hello"))), Error);
}

TEST(SealWithKeystream, EqualsKeySeal) {
  WepKey key(Bytes{0xde, 0xad, 0xbe, 0xef, 0x01});
  Iv iv{1, 2, 3};
  Bytes ks = rc4_keystream(key.seed_for(iv), 40);
  Bytes p = to_bytes("a short message");
  EXPECT_EQ(seal_with_keystream(iv, 0, ks, p), wep_seal(key, iv, p));
  EXPECT_THROW(seal_with_keystream(iv, 0, Bytes(10, 0), p), Error);
}

TEST(IvPolicy, SequentialWraps) {
  IvGenerator g(IvSequential{0xFFFFFE});
  EXPECT_EQ(iv_to_u32(g.next()), 0xFFFFFEu);
  EXPECT_EQ(iv_to_u32(g.next()), 0xFFFFFFu);
  EXPECT_EQ(iv_to_u32(g.next()), 0u);
  IvGenerator f(IvFixed{{7, 8, 9}});
  EXPECT_EQ(f.next(), (Iv{7, 8, 9}));
  EXPECT_EQ(f.next(), (Iv{7, 8, 9}));
  IvGenerator r1(IvRandom{5}), r2(IvRandom{5});
  for (int i = 0; i < 10; ++i) EXPECT_EQ(r1.next(), r2.next());
}

TEST(Vendor, MatchesDefinition) {
  for (std::string p : {"a", "ab", "bonn", "wavelan", "Secret Passphrase 2001"})
    EXPECT_EQ(keygen_vendor(p).secret(), oracle::vendor_key(p)) << p;
}

TEST(Vendor, DeterministicAndFoldCollision) {
  EXPECT_EQ(keygen_vendor("bonn"), keygen_vendor("bonn"));
  EXPECT_EQ(keygen_vendor("ab"), keygen_vendor(std::string("ab\0\0\0\0", 6)));
  EXPECT_EQ(keygen_vendor("abcdabcd"), keygen_vendor(std::string("\0\0\0\0", 4)));
  EXPECT_THROW(keygen_vendor(""), Error);
}

TEST(Vendor, PrintableSeedsHaveTopBitsClear) {
  Rng rng(8);
  for (int i = 0; i < 5000; ++i) {
    std::string p(1 + rng.below(30), ' ');
    for (auto& c : p) c = static_cast<char>(0x20 + rng.below(95));
    std::uint32_t seed = vendor_seed(p);
    ASSERT_EQ(seed & 0x80808080u, 0u);
    ASSERT_EQ(keygen_vendor(p), vendor_key_from_seed(seed));
  }
}
