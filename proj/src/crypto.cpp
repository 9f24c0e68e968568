#include "ztmesh/crypto.hpp"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <stdexcept>

#include "ztmesh/counters.hpp"
#include "ztmesh/errors.hpp"
#include "ztmesh/wire.hpp"

namespace ztmesh::crypto {

namespace {

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw Error("libsodium initialization failed");
    });
}

constexpr char kKeygenContext[] = "ztmesh.keygen.v1";
constexpr char kChannelContext[] = "ztmesh.channel.v1";

}  // namespace

KeyPair generate_keypair(std::optional<std::uint64_t> rng_seed) {
    ensure_sodium();
    KeyPair kp;
    kp.public_key.resize(crypto_sign_PUBLICKEYBYTES);
    kp.private_key.resize(crypto_sign_SECRETKEYBYTES);
    if (rng_seed.has_value()) {
        Bytes seed_input(8);
        for (int i = 0; i < 8; ++i) {
            seed_input[i] = static_cast<std::uint8_t>(*rng_seed >> (8 * i));
        }
        std::array<std::uint8_t, crypto_sign_SEEDBYTES> seed{};
        crypto_generichash(seed.data(), seed.size(), seed_input.data(), seed_input.size(),
                           reinterpret_cast<const unsigned char*>(kKeygenContext),
                           sizeof(kKeygenContext) - 1);
        crypto_sign_seed_keypair(kp.public_key.data(), kp.private_key.data(), seed.data());
    } else {
        crypto_sign_keypair(kp.public_key.data(), kp.private_key.data());
    }
    metrics::charge(metrics::Op::Exp);
    return kp;
}

Bytes public_from_private(BytesView private_key) {
    if (private_key.size() != kPrivateKeyBytes) {
        throw InvalidPublicKey("private key must be 64 bytes");
    }
    // Ed25519 secret keys carry the public half in their upper 32 bytes.
    return Bytes(private_key.begin() + crypto_sign_SEEDBYTES, private_key.end());
}

void validate_public_key(BytesView public_key) {
    ensure_sodium();
    metrics::charge(metrics::Op::Exp);
    if (public_key.size() != kPublicKeyBytes) {
        throw InvalidPublicKey("public key must be 32 bytes");
    }
    std::array<std::uint8_t, crypto_scalarmult_BYTES> curve_pk{};
    if (crypto_sign_ed25519_pk_to_curve25519(curve_pk.data(), public_key.data()) != 0) {
        throw InvalidPublicKey("not a valid group element");
    }
}

SharedKey derive_shared_key(BytesView my_private, BytesView their_public) {
    ensure_sodium();
    metrics::charge(metrics::Op::M, 2);
    if (my_private.size() != kPrivateKeyBytes) {
        throw InvalidPublicKey("private key must be 64 bytes");
    }
    if (their_public.size() != kPublicKeyBytes) {
        throw InvalidPublicKey("public key must be 32 bytes");
    }

    std::array<std::uint8_t, crypto_scalarmult_SCALARBYTES> my_curve_sk{};
    std::array<std::uint8_t, crypto_scalarmult_BYTES> their_curve_pk{};
    if (crypto_sign_ed25519_sk_to_curve25519(my_curve_sk.data(), my_private.data()) != 0) {
        throw InvalidPublicKey("private key conversion failed");
    }
    if (crypto_sign_ed25519_pk_to_curve25519(their_curve_pk.data(), their_public.data()) != 0) {
        throw InvalidPublicKey("not a valid group element");
    }

    std::array<std::uint8_t, crypto_scalarmult_BYTES> point{};
    if (crypto_scalarmult(point.data(), my_curve_sk.data(), their_curve_pk.data()) != 0) {
        throw InvalidPublicKey("degenerate shared point");
    }

    // Raw DH output is not used directly as a cipher key: run it through a
    // salted KDF bound to both identities, ordered canonically so both sides
    // derive the same key.
    Bytes my_public = public_from_private(my_private);
    Bytes lo(their_public.begin(), their_public.end());
    Bytes hi = my_public;
    if (std::lexicographical_compare(hi.begin(), hi.end(), lo.begin(), lo.end())) {
        std::swap(lo, hi);
    }
    Bytes ikm;
    ikm.insert(ikm.end(), point.begin(), point.end());
    ikm.insert(ikm.end(), lo.begin(), lo.end());
    ikm.insert(ikm.end(), hi.begin(), hi.end());

    SharedKey key;
    crypto_generichash(key.key_bytes.data(), key.key_bytes.size(), ikm.data(), ikm.size(),
                       reinterpret_cast<const unsigned char*>(kChannelContext),
                       sizeof(kChannelContext) - 1);
    return key;
}

Bytes encrypt(const SharedKey& key, BytesView plaintext, BytesView nonce,
              BytesView associated_data) {
    ensure_sodium();
    metrics::charge(metrics::Op::Cs);
    if (nonce.size() != kAeadNonceBytes) {
        throw std::invalid_argument("AEAD nonce must be 12 bytes");
    }
    Bytes out(nonce.begin(), nonce.end());
    out.resize(kAeadNonceBytes + plaintext.size() + kAeadTagBytes);
    unsigned long long clen = 0;
    crypto_aead_chacha20poly1305_ietf_encrypt(
        out.data() + kAeadNonceBytes, &clen, plaintext.data(), plaintext.size(),
        associated_data.empty() ? nullptr : associated_data.data(), associated_data.size(),
        nullptr, nonce.data(), key.key_bytes.data());
    out.resize(kAeadNonceBytes + clen);
    return out;
}

Bytes decrypt(const SharedKey& key, BytesView nonce_and_ciphertext, BytesView associated_data) {
    ensure_sodium();
    metrics::charge(metrics::Op::Cs);
    if (nonce_and_ciphertext.size() < kAeadNonceBytes + kAeadTagBytes) {
        throw AuthenticationFailure("ciphertext too short");
    }
    BytesView nonce = nonce_and_ciphertext.subspan(0, kAeadNonceBytes);
    BytesView ct = nonce_and_ciphertext.subspan(kAeadNonceBytes);
    Bytes out(ct.size() - kAeadTagBytes);
    unsigned long long mlen = 0;
    int rc = crypto_aead_chacha20poly1305_ietf_decrypt(
        out.empty() ? nullptr : out.data(), &mlen, nullptr, ct.data(), ct.size(),
        associated_data.empty() ? nullptr : associated_data.data(), associated_data.size(),
        nonce.data(), key.key_bytes.data());
    if (rc != 0) throw AuthenticationFailure("ciphertext authentication failed");
    out.resize(mlen);
    return out;
}

Bytes sign(BytesView private_key, BytesView message) {
    ensure_sodium();
    metrics::charge(metrics::Op::Sig);
    if (private_key.size() != kPrivateKeyBytes) {
        throw std::invalid_argument("private key must be 64 bytes");
    }
    Bytes sig(crypto_sign_BYTES);
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), private_key.data());
    return sig;
}

bool verify(BytesView public_key, BytesView message, BytesView signature) {
    ensure_sodium();
    metrics::charge(metrics::Op::Exp);
    if (public_key.size() != kPublicKeyBytes || signature.size() != kSignatureBytes) {
        return false;
    }
    return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                       public_key.data()) == 0;
}

Bytes hash(BytesView message) {
    ensure_sodium();
    metrics::charge(metrics::Op::H);
    Bytes digest(kDigestBytes);
    crypto_generichash(digest.data(), digest.size(), message.data(), message.size(), nullptr, 0);
    return digest;
}

Bytes certificate_payload(const Certificate& cert) {
    wire::FrameBuilder frame;
    frame.add_string(cert.device_id);
    frame.add_bytes(cert.device_public_key);
    frame.add_string(cert.issuer_id);
    return frame.build();
}

Certificate issue_certificate(const KeyPair& am_keys, const std::string& issuer_id,
                              const std::string& device_id, BytesView device_public_key) {
    Certificate cert;
    cert.device_id = device_id;
    cert.device_public_key.assign(device_public_key.begin(), device_public_key.end());
    cert.issuer_id = issuer_id;
    Bytes digest = hash(certificate_payload(cert));
    cert.am_signature = sign(am_keys.private_key, digest);
    return cert;
}

bool verify_certificate(BytesView am_public_key, const Certificate& cert) {
    Bytes digest = hash(certificate_payload(cert));
    return verify(am_public_key, digest, cert.am_signature);
}

}  // namespace ztmesh::crypto
