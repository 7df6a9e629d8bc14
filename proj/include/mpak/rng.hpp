#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>

#include <sys/random.h>

#include "mpak/encoding.hpp"
#include "mpak/errors.hpp"
#include "mpak/sha2.hpp"

namespace mpak {

class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::uint8_t* out, std::size_t len) = 0;

    Bytes bytes(std::size_t n) {
        Bytes out(n);
        if (n > 0) fill(out.data(), n);
        return out;
    }
};

// OS entropy. The only randomness source used outside of tests.
class SystemRng : public RandomSource {
public:
    void fill(std::uint8_t* out, std::size_t len) override {
        while (len > 0) {
            ssize_t got = getrandom(out, len, 0);
            if (got < 0) fail(Errc::io_error, "getrandom failed");
            out += got;
            len -= static_cast<std::size_t>(got);
        }
    }
};

// Deterministic SHA-256 counter generator for tests and reproducible key
// generation. Not a production randomness source.
class DrbgRng : public RandomSource {
public:
    explicit DrbgRng(const Bytes& seed) : seed_(sha256(seed)) {}
    explicit DrbgRng(std::string_view label, std::uint64_t seed = 0) {
        Sha256 h;
        h.update(label);
        std::uint8_t s[8];
        for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(seed >> (8 * i));
        h.update(s, 8);
        seed_ = h.finish();
    }

    void fill(std::uint8_t* out, std::size_t len) override {
        while (len > 0) {
            if (avail_ == 0) {
                Sha256 h;
                h.update(seed_);
                std::uint8_t c[8];
                for (int i = 0; i < 8; ++i) c[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
                h.update(c, 8);
                block_ = h.finish();
                ++counter_;
                avail_ = block_.size();
            }
            std::size_t take = std::min(len, avail_);
            std::memcpy(out, block_.data() + (block_.size() - avail_), take);
            avail_ -= take;
            out += take;
            len -= take;
        }
    }

private:
    Bytes seed_;
    Bytes block_;
    std::size_t avail_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace mpak
