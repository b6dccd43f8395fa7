#ifndef DCX_PERM_HPP
#define DCX_PERM_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dcx {

// Permutation of {0,1,2,3}, encoded as the image string of 0,1,2,3 in order
// (e.g. "0123" is the identity).  Face f of a tetrahedron is the face
// opposite vertex f, so a gluing permutation maps the omitted vertex of one
// face to the omitted vertex of the other.
class Perm4 {
public:
    constexpr Perm4() : img_{0, 1, 2, 3} {}
    constexpr explicit Perm4(std::array<std::uint8_t, 4> img) : img_(img) {}

    static Perm4 parse(const std::string& s) {
        if (s.size() != 4) throw std::invalid_argument("permutation must have 4 characters: " + s);
        std::array<std::uint8_t, 4> img{};
        std::array<bool, 4> seen{};
        for (int i = 0; i < 4; ++i) {
            char c = s[static_cast<std::size_t>(i)];
            if (c < '0' || c > '3') throw std::invalid_argument("permutation character out of range: " + s);
            int v = c - '0';
            if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("permutation is not a bijection: " + s);
            seen[static_cast<std::size_t>(v)] = true;
            img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
        }
        return Perm4(img);
    }

    int operator[](int i) const { return img_[static_cast<std::size_t>(i)]; }

    Perm4 inverse() const {
        std::array<std::uint8_t, 4> inv{};
        for (int i = 0; i < 4; ++i) inv[img_[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(i);
        return Perm4(inv);
    }

    // this ∘ other: applies other first.
    Perm4 after(const Perm4& other) const {
        std::array<std::uint8_t, 4> r{};
        for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] = img_[other.img_[static_cast<std::size_t>(i)]];
        return Perm4(r);
    }

    int sign() const {
        int s = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img_[static_cast<std::size_t>(i)] > img_[static_cast<std::size_t>(j)]) s = -s;
        return s;
    }

    bool is_identity() const { return img_[0] == 0 && img_[1] == 1 && img_[2] == 2 && img_[3] == 3; }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[static_cast<std::size_t>(i)] = static_cast<char>('0' + img_[static_cast<std::size_t>(i)]);
        return s;
    }

    bool operator==(const Perm4& o) const { return img_ == o.img_; }
    bool operator!=(const Perm4& o) const { return img_ != o.img_; }

    // All 24 permutations in lexicographic order of their image strings.
    static const std::array<Perm4, 24>& all() {
        static const std::array<Perm4, 24> table = [] {
            std::array<Perm4, 24> t{};
            int n = 0;
            std::array<std::uint8_t, 4> img{0, 1, 2, 3};
            do {
                t[static_cast<std::size_t>(n++)] = Perm4(img);
            } while (std::next_permutation(img.begin(), img.end()));
            return t;
        }();
        return table;
    }

private:
    std::array<std::uint8_t, 4> img_;
};

} // namespace dcx

#endif
