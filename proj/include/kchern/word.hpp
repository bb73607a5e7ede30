#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "kchern/error.hpp"

namespace kchern {

/// Basis word (i0; i1, ..., in) standing for e_{i0} de_{i1} ... de_{in}.
/// Slot 0 ranges over the whole basis, later slots over the reduced basis
/// (indices >= 1). The degree of the word is its length minus one.
class Word {
public:
    static constexpr int kMaxSlots = 16;
    static constexpr int kMaxDegree = kMaxSlots - 1;

    Word() = default;
    Word(std::initializer_list<int> slots) {
        for (int s : slots) push_back(s);
    }
    explicit Word(const std::vector<int>& slots) {
        for (int s : slots) push_back(s);
    }

    int size() const noexcept { return len_; }
    int degree() const noexcept { return len_ - 1; }
    bool empty() const noexcept { return len_ == 0; }
    int operator[](int i) const noexcept { return s_[static_cast<std::size_t>(i)]; }
    int front() const noexcept { return s_[0]; }
    int back() const noexcept { return s_[static_cast<std::size_t>(len_ - 1)]; }

    void push_back(int v) {
        if (len_ >= kMaxSlots) throw CapExceeded(len_, kMaxDegree);
        if (v < 0 || v > 255) throw MismatchError("word slot out of range");
        s_[static_cast<std::size_t>(len_++)] = static_cast<std::uint8_t>(v);
    }
    void pop_back() noexcept { --len_; }
    void set(int i, int v) noexcept { s_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v); }

    /// Drop the last slot.
    Word prefix() const noexcept {
        Word w = *this;
        w.s_[static_cast<std::size_t>(--w.len_)] = 0;
        return w;
    }

    /// This word followed by the d-slots of `tail` (tail slot 0 is skipped).
    Word concat_tail(const Word& tail) const {
        if (len_ + tail.len_ - 1 > kMaxSlots) throw CapExceeded(len_ + tail.len_ - 2, kMaxDegree);
        Word w = *this;
        for (int i = 1; i < tail.len_; ++i) w.s_[static_cast<std::size_t>(w.len_++)] = tail.s_[static_cast<std::size_t>(i)];
        return w;
    }

    std::vector<int> slots() const {
        std::vector<int> v;
        for (int i = 0; i < len_; ++i) v.push_back(s_[static_cast<std::size_t>(i)]);
        return v;
    }

    std::string str() const {
        std::string out = "(";
        for (int i = 0; i < len_; ++i) {
            if (i == 1)
                out += ";";
            else if (i > 1)
                out += ",";
            out += std::to_string(s_[static_cast<std::size_t>(i)]);
        }
        return out + ")";
    }

    friend bool operator==(const Word& a, const Word& b) noexcept {
        return a.len_ == b.len_ && std::memcmp(a.s_.data(), b.s_.data(), kMaxSlots) == 0;
    }
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) noexcept {
        if (a.len_ != b.len_) return a.len_ <=> b.len_;
        int c = std::memcmp(a.s_.data(), b.s_.data(), kMaxSlots);
        return c <=> 0;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 1469598103934665603ULL ^ len_;
        for (int i = 0; i < len_; ++i) {
            h ^= s_[static_cast<std::size_t>(i)];
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }

private:
    std::uint8_t len_ = 0;
    std::array<std::uint8_t, kMaxSlots> s_{};
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept { return w.hash(); }
};

}  // namespace kchern
