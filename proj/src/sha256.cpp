#include <zkpop/sha256.hpp>

#include <openssl/evp.h>

#include <cstring>
#include <stdexcept>

namespace zkpop {

Sha256::Sha256() {
    EVP_MD_CTX* c = EVP_MD_CTX_new();
    if (!c || EVP_DigestInit_ex(c, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 init failed");
    ctx_ = c;
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

Sha256& Sha256::update(std::span<const u8> data) {
    EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size());
    return *this;
}

Sha256& Sha256::update_u32(u32 v) {
    u8 b[4];
    for (int i = 0; i < 4; i++) b[i] = (u8)(v >> (8 * i));
    return update({b, 4});
}

Sha256& Sha256::update_u64(u64 v) {
    u8 b[8];
    for (int i = 0; i < 8; i++) b[i] = (u8)(v >> (8 * i));
    return update({b, 8});
}

Digest Sha256::final() {
    Digest d;
    unsigned int len = 32;
    EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), d.data(), &len);
    return d;
}

Digest sha256(std::span<const u8> data) { return Sha256().update(data).final(); }

Digest sha256(std::string_view s) { return Sha256().update(s).final(); }

}  // namespace zkpop
