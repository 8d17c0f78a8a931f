#pragma once

#include <cstdint>
#include <string_view>

namespace ks {

// Counter-based generator (splitmix64 core). Streams are derived from a root
// seed and a check name, so adding new checks never perturbs existing ones.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : s) {
            h ^= std::uint64_t(static_cast<unsigned char>(c));
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    // Independent stream for (root seed, check name, trial counter).
    static Rng derive(std::uint64_t root, std::string_view check, std::uint64_t counter) {
        Rng mix(root ^ fnv1a(check));
        std::uint64_t a = mix.next_u64();
        Rng mix2(a + 0x9e3779b97f4a7c15ULL * (counter + 1));
        return Rng(mix2.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace ks
