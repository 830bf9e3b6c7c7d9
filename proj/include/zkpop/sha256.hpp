#pragma once
#include <zkpop/ff.hpp>
#include <span>
#include <string_view>

namespace zkpop {

using Digest = std::array<u8, 32>;

// Incremental SHA-256 (OpenSSL-backed); used for evidence chains, transcripts,
// and deterministic parameter derivation.
struct Sha256 {
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(std::span<const u8> data);
    Sha256& update(std::string_view s) {
        return update({reinterpret_cast<const u8*>(s.data()), s.size()});
    }
    Sha256& update_u32(u32 v);  // little-endian
    Sha256& update_u64(u64 v);  // little-endian
    Digest final();

private:
    void* ctx_;
};

Digest sha256(std::span<const u8> data);
Digest sha256(std::string_view s);

}  // namespace zkpop
