#pragma once

// Orbit enumeration: every curvature of a packing up to a bound, as a bitmap,
// plus the derived missing / sporadic / co-occurrence reports and the bitmap
// file format.

#include <bit>
#include <cstdint>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "apollo/classify.hpp"
#include "apollo/packing.hpp"

namespace apollo {

// Hard bound ceiling; one bit per value, so 2^40 is 128 GiB of bitmap.
inline constexpr int64_t kMaxBound = int64_t(1) << 40;

// Bit m set when some circle of the packing has curvature m, 1 <= m <= bound.
// Bit m lives in word (m-1)/64 at position (m-1)%64, which serializes to
// byte (m-1)/8, bit (m-1)%8.
struct CurvatureBitmap {
    Quadruple root;
    int64_t bound{0};
    std::vector<uint64_t> words;

    CurvatureBitmap() = default;
    CurvatureBitmap(const Quadruple& r, int64_t n)
        : root(r), bound(n), words((size_t)((n + 63) / 64), 0) {
        if (n < 1 || n > kMaxBound) throw domain_error("bitmap bound must be in 1..2^40");
    }

    bool test(int64_t m) const {
        if (m < 1 || m > bound) return false;
        uint64_t i = (uint64_t)(m - 1);
        return (words[i >> 6] >> (i & 63)) & 1u;
    }
    void set(int64_t m) {
        if (m < 1 || m > bound) throw domain_error("bitmap set out of range");
        uint64_t i = (uint64_t)(m - 1);
        words[i >> 6] |= uint64_t(1) << (i & 63);
    }
    int64_t count() const {
        int64_t c = 0;
        for (uint64_t w : words) c += std::popcount(w);
        return c;
    }
};

struct EnumerationResult {
    CurvatureBitmap bitmap;
    int64_t nodes{0};                  // orbit tree nodes visited, root included
    std::vector<Quadruple> witnesses;  // sampled tree quadruples, when requested
};

struct EnumerateOptions {
    int threads = 1;
    int witness_target = 0;  // witness sampling forces single-threaded traversal
};

namespace detail {

struct DfsNode {
    std::array<int64_t, 4> v;
    int parent;
};

// Iterative depth-first walk of one subtree. New curvatures along any path
// are nondecreasing where it matters: a value m <= bound first appears on a
// path whose new curvatures never exceed m, so pruning children above the
// bound loses nothing (cross-checked against plain breadth-first search in
// the tests). Children equal to the entry they replace are symmetry fixed
// points of the quadruple and are skipped.
inline void dfs_subtree(DfsNode start, int64_t bound, CurvatureBitmap& bm, int64_t& nodes,
                        std::vector<Quadruple>* witnesses, int witness_target) {
    std::vector<DfsNode> stack;
    stack.push_back(start);
    while (!stack.empty()) {
        DfsNode nd = stack.back();
        stack.pop_back();
        ++nodes;
        if (witnesses && (int)witnesses->size() < witness_target && nodes % 7 == 0)
            witnesses->push_back(Quadruple{nd.v[0], nd.v[1], nd.v[2], nd.v[3]});
        int64_t s = checked::add(checked::add(nd.v[0], nd.v[1]), checked::add(nd.v[2], nd.v[3]));
        int64_t s2 = checked::mul(2, s);
        for (int i = 0; i < 4; ++i) {
            if (i == nd.parent) continue;
            int64_t nv = checked::sub(s2, checked::mul(3, nd.v[(size_t)i]));
            if (nv == nd.v[(size_t)i] || nv > bound) continue;
            if (nv < 1) throw internal_error("enumerate: nonpositive child curvature");
            bm.set(nv);
            DfsNode child = nd;
            child.v[(size_t)i] = nv;
            child.parent = i;
            stack.push_back(child);
        }
    }
}

}  // namespace detail

// All curvatures of the packing of q up to the bound. The traversal is exact,
// deterministic, and independent of thread count: with threads > 1 the at
// most four depth-one subtrees run on private bitmaps that are OR-merged.
inline EnumerationResult enumerate_curvatures(const Quadruple& q, int64_t bound,
                                              const EnumerateOptions& opts = {}) {
    if (bound < 1 || bound > kMaxBound)
        throw domain_error("enumerate_curvatures: bound must be in 1..2^40");
    Quadruple root = reduce_to_root(validate(q));
    EnumerationResult res;
    res.bitmap = CurvatureBitmap(root, bound);
    res.nodes = 1;
    for (int i = 0; i < 4; ++i)
        if (root[i] >= 1 && root[i] <= bound) res.bitmap.set(root[i]);

    std::vector<detail::DfsNode> tasks;
    int64_t s2 = checked::mul(2, sum(root));
    for (int i = 0; i < 4; ++i) {
        int64_t nv = checked::sub(s2, checked::mul(3, root[i]));
        if (nv == root[i] || nv > bound) continue;
        if (nv < 1) throw internal_error("enumerate: nonpositive root child curvature");
        res.bitmap.set(nv);
        detail::DfsNode child{root.v, i};
        child.v[(size_t)i] = nv;
        tasks.push_back(child);
    }

    int threads = opts.threads;
    if (threads < 1) throw domain_error("enumerate_curvatures: thread count must be positive");
    if (opts.witness_target > 0) threads = 1;
    threads = std::min<int>(threads, (int)tasks.size());

    if (threads <= 1) {
        for (const auto& t : tasks)
            detail::dfs_subtree(t, bound, res.bitmap, res.nodes,
                                opts.witness_target > 0 ? &res.witnesses : nullptr,
                                opts.witness_target);
        return res;
    }

    std::vector<CurvatureBitmap> parts((size_t)threads, CurvatureBitmap(root, bound));
    std::vector<int64_t> counts((size_t)threads, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (size_t j = (size_t)w; j < tasks.size(); j += (size_t)threads)
                detail::dfs_subtree(tasks[j], bound, parts[(size_t)w], counts[(size_t)w], nullptr, 0);
        });
    for (auto& th : pool) th.join();
    for (int w = 0; w < threads; ++w) {
        res.nodes += counts[(size_t)w];
        for (size_t j = 0; j < res.bitmap.words.size(); ++j)
            res.bitmap.words[j] |= parts[(size_t)w].words[j];
    }
    return res;
}

// Missing curvatures per admissible class: values 1 <= m <= bound in an
// admissible class mod 24 with no circle of that curvature.
struct MissingReport {
    Quadruple root;
    int64_t bound{0};
    ResidueClassSet admissible;
    // one entry per admissible residue, ascending residue, values ascending
    std::vector<std::pair<int, std::vector<int64_t>>> classes;
};

inline MissingReport missing_curvatures(const CurvatureBitmap& bm, const ResidueType& t) {
    MissingReport rep;
    rep.root = bm.root;
    rep.bound = bm.bound;
    rep.admissible = admissible_residues(t);
    for (int r : rep.admissible.values()) {
        std::vector<int64_t> vals;
        for (int64_t m = r == 0 ? 24 : r; m <= bm.bound; m += 24)
            if (!bm.test(m)) vals.push_back(m);
        rep.classes.emplace_back(r, std::move(vals));
    }
    return rep;
}

// Missing values not explained by any predicted obstruction family.
struct SporadicReport {
    Quadruple root;
    int64_t bound{0};
    std::vector<std::pair<int, std::vector<int64_t>>> classes;
    int64_t count{0};
    int64_t max_value{0};  // 0 when empty
};

inline SporadicReport sporadic_set(const MissingReport& missing,
                                   const std::vector<ObstructionFamily>& families) {
    SporadicReport rep;
    rep.root = missing.root;
    rep.bound = missing.bound;
    for (const auto& [r, vals] : missing.classes) {
        std::vector<int64_t> keep;
        for (int64_t v : vals) {
            bool excluded = false;
            for (const auto& f : families)
                if (f.contains(v)) {
                    excluded = true;
                    break;
                }
            if (!excluded) keep.push_back(v);
        }
        rep.count += (int64_t)keep.size();
        if (!keep.empty()) rep.max_value = std::max(rep.max_value, keep.back());
        rep.classes.emplace_back(r, std::move(keep));
    }
    return rep;
}

// Members of one obstruction family up to the bound that lie in an admissible
// class, ascending.
inline std::vector<int64_t> obstruction_members(const ObstructionFamily& f, int64_t bound,
                                                const ResidueClassSet& admissible) {
    std::vector<int64_t> out;
    for (int64_t w = 1;; ++w) {
        int64_t v = f.multiplier;
        for (int i = 0; i < f.degree; ++i) v = checked::mul(v, w);
        if (v > bound) break;
        if (admissible.contains(v)) out.push_back(v);
    }
    return out;
}

// The values 24 m^2 and 8 n^2 (3 not dividing n) present in the bitmap. In a
// packing obeying the predicted obstructions at most one list is nonempty.
struct CooccurrenceReport {
    std::vector<int64_t> squares24;  // 24 m^2 values present
    std::vector<int64_t> squares8;   // 8 n^2 values present, 3 does not divide n
    bool pass{false};
};

inline CooccurrenceReport cooccurrence_check(const CurvatureBitmap& bm) {
    CooccurrenceReport rep;
    for (int64_t m = 1; checked::mul(24, checked::mul(m, m)) <= bm.bound; ++m) {
        int64_t v = 24 * m * m;
        if (bm.test(v)) rep.squares24.push_back(v);
    }
    for (int64_t n = 1; checked::mul(8, checked::mul(n, n)) <= bm.bound; ++n) {
        if (n % 3 == 0) continue;
        int64_t v = 8 * n * n;
        if (bm.test(v)) rep.squares8.push_back(v);
    }
    rep.pass = rep.squares24.empty() || rep.squares8.empty();
    return rep;
}

// Differences of consecutive values of a strictly ascending list.
inline std::vector<int64_t> successive_differences(const std::vector<int64_t>& v) {
    std::vector<int64_t> out;
    for (size_t i = 1; i < v.size(); ++i) {
        if (v[i] <= v[i - 1])
            throw domain_error("successive_differences: values must be strictly ascending");
        out.push_back(v[i] - v[i - 1]);
    }
    return out;
}

// Bitmap file format: magic "APBM", version byte 1, root as four little
// endian int64, bound as little endian uint64, then ceil(bound/8) payload
// bytes with bit m at byte (m-1)/8, bit (m-1)%8.
inline void write_apbm(const CurvatureBitmap& bm, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("cannot open for writing: " + path);
    auto put_u64 = [&](uint64_t x) {
        char b[8];
        for (int i = 0; i < 8; ++i) b[i] = (char)((x >> (8 * i)) & 0xff);
        os.write(b, 8);
    };
    os.write("APBM", 4);
    os.put((char)1);
    for (int i = 0; i < 4; ++i) put_u64((uint64_t)bm.root[i]);
    put_u64((uint64_t)bm.bound);
    int64_t nbytes = (bm.bound + 7) / 8;
    std::vector<char> buf((size_t)nbytes);
    for (int64_t i = 0; i < nbytes; ++i)
        buf[(size_t)i] = (char)((bm.words[(size_t)(i >> 3)] >> (8 * (i & 7))) & 0xff);
    os.write(buf.data(), (std::streamsize)buf.size());
    if (!os) throw io_error("write failed: " + path);
}

inline CurvatureBitmap read_apbm(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open for reading: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != "APBM") throw format_error("not a bitmap file: " + path);
    int version = is.get();
    if (version != 1) throw format_error("unsupported bitmap version in " + path);
    auto get_u64 = [&]() -> uint64_t {
        unsigned char b[8];
        is.read((char*)b, 8);
        uint64_t x = 0;
        for (int i = 0; i < 8; ++i) x |= (uint64_t)b[i] << (8 * i);
        return x;
    };
    Quadruple root;
    for (int i = 0; i < 4; ++i) root[i] = (int64_t)get_u64();
    int64_t bound = (int64_t)get_u64();
    if (!is) throw format_error("truncated bitmap header in " + path);
    if (bound < 1 || bound > kMaxBound) throw format_error("bitmap bound out of range in " + path);
    try {
        validate(root);
    } catch (const invalid_quadruple&) {
        throw format_error("bitmap root is not a valid quadruple in " + path);
    }
    CurvatureBitmap bm(root, bound);
    int64_t nbytes = (bound + 7) / 8;
    std::vector<char> buf((size_t)nbytes);
    is.read(buf.data(), (std::streamsize)buf.size());
    if (is.gcount() != (std::streamsize)nbytes) throw format_error("truncated bitmap payload in " + path);
    if (is.get() != std::char_traits<char>::eof()) throw format_error("trailing bytes in " + path);
    for (int64_t i = 0; i < nbytes; ++i)
        bm.words[(size_t)(i >> 3)] |= (uint64_t)(unsigned char)buf[(size_t)i] << (8 * (i & 7));
    if (bound % 8 != 0) {
        unsigned last = (unsigned char)buf[(size_t)(nbytes - 1)];
        if (last >> (bound % 8) != 0) throw format_error("set bits beyond the bound in " + path);
    }
    return bm;
}

}  // namespace apollo
