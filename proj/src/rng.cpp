#include "centerfocus/rng.hpp"

namespace centerfocus {

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

long Rng::next_long(long lo, long hi) {
    return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rat Rng::next_dyadic(int bits) {
    std::uint64_t mask = (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
    long num = static_cast<long>(next_u64() & mask);
    if (next_u64() & 1) num = -num;
    Rat r(num);
    Rat den(1);
    den <<= bits;  // 2^bits
    r /= den;
    r.canonicalize();
    return r;
}

QC Rng::next_qc() {
    return QC(next_dyadic(), next_dyadic());
}

QC Rng::next_unit_circle() {
    // (1-t^2)/(1+t^2) + i*2t/(1+t^2) lies exactly on the unit circle
    Rat t = next_dyadic();
    Rat t2 = t * t;
    Rat d = Rat(1) + t2;
    return QC((Rat(1) - t2) / d, Rat(2) * t / d);
}

std::uint64_t Rng::mix(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = seed ^ 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace centerfocus
