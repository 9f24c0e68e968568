#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "ztmesh/bytes.hpp"

namespace ztmesh::crypto {

// Raw byte-string key material, fixed lengths, no envelope.
inline constexpr std::size_t kPublicKeyBytes = 32;
inline constexpr std::size_t kPrivateKeyBytes = 64;  // seed || public key
inline constexpr std::size_t kSignatureBytes = 64;
inline constexpr std::size_t kSharedKeyBytes = 32;
inline constexpr std::size_t kAeadNonceBytes = 12;
inline constexpr std::size_t kAeadTagBytes = 16;
inline constexpr std::size_t kDigestBytes = 32;

struct KeyPair {
    Bytes public_key;   // 32 bytes
    Bytes private_key;  // 64 bytes, never serialized outward
};

struct SharedKey {
    std::array<std::uint8_t, kSharedKeyBytes> key_bytes{};
    bool operator==(const SharedKey&) const = default;
};

struct Certificate {
    std::string device_id;
    Bytes device_public_key;
    std::string issuer_id;
    Bytes am_signature;

    bool operator==(const Certificate&) const = default;
};

// Deterministic when a seed is supplied. Charges Exp.
KeyPair generate_keypair(std::optional<std::uint64_t> rng_seed = std::nullopt);

// True public key derivation from the 64-byte private key.
Bytes public_from_private(BytesView private_key);

// Validates that a serialized public key is a usable group element.
// Charges Exp (the per-registration key-validation cost). Throws
// InvalidPublicKey.
void validate_public_key(BytesView public_key);

// X25519 agreement over the Ed25519 identities followed by a salted KDF.
// Symmetric: derive(skA, pkB) == derive(skB, pkA). Charges 2 M per call
// (own contribution + shared point). Throws InvalidPublicKey on malformed
// or identity-element input.
SharedKey derive_shared_key(BytesView my_private, BytesView their_public);

// AEAD. Returns nonce || ciphertext+tag; decrypt expects that layout.
// Nonce must be exactly 12 bytes and unique per (key, message).
// Charges Cs on each call. Throws AuthenticationFailure on tamper or
// key mismatch.
Bytes encrypt(const SharedKey& key, BytesView plaintext, BytesView nonce,
              BytesView associated_data = {});
Bytes decrypt(const SharedKey& key, BytesView nonce_and_ciphertext,
              BytesView associated_data = {});

// Detached Ed25519. sign charges Sig; verify charges Exp and returns false
// (never throws) on invalid or malformed signatures.
Bytes sign(BytesView private_key, BytesView message);
bool verify(BytesView public_key, BytesView message, BytesView signature);

// BLAKE2b-256. Charges H. This is the protocol-level hash step; signatures
// are made over these digests.
Bytes hash(BytesView message);

// Certificate helpers. Issuance hashes the payload (H) and signs the digest
// (Sig); verification hashes (H) and verifies (Exp).
Bytes certificate_payload(const Certificate& cert);
Certificate issue_certificate(const KeyPair& am_keys, const std::string& issuer_id,
                              const std::string& device_id, BytesView device_public_key);
bool verify_certificate(BytesView am_public_key, const Certificate& cert);

}  // namespace ztmesh::crypto
