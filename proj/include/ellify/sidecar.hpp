#pragma once

// Versioned JSON sidecar written next to every constructed ell-ification.
// It carries the block partition data and shift constants, so recovery never
// re-infers (eps, eta, ell) from matrix shapes (ambiguous when m = n).

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ellify/constructors.hpp"
#include "ellify/recovery.hpp"

namespace ellify {

struct Sidecar {
    static constexpr int current_version = 1;

    int format_version = current_version;
    std::string form;  // kronecker | frobenius | frobenius-like | symmetric
    std::size_t epsilon = 0, eta = 0, ell = 1, m = 0, n = 0;
    std::size_t shift_right = 0, shift_left = 0;
    std::vector<std::size_t> row_blocks, col_blocks;

    RecoveryContext to_context() const {
        RecoveryContext c;
        c.kind = RecoveryContext::Kind::block_kronecker;
        c.epsilon = epsilon;
        c.eta = eta;
        c.ell = ell;
        c.m = m;
        c.n = n;
        c.deg_n1 = shift_right;
        c.deg_n2 = shift_left;
        return c;
    }
};

inline Sidecar make_sidecar(const std::string& form, const BlockKronecker& bk) {
    Sidecar s;
    s.form = form;
    s.epsilon = bk.epsilon;
    s.eta = bk.eta;
    s.ell = bk.ell;
    s.m = bk.m;
    s.n = bk.n;
    s.shift_right = bk.epsilon * bk.ell;
    s.shift_left = bk.eta * bk.ell;
    for (std::size_t i = 0; i <= bk.eta; ++i) s.row_blocks.push_back(bk.m);
    for (std::size_t i = 0; i < bk.epsilon; ++i) s.row_blocks.push_back(bk.n);
    for (std::size_t i = 0; i <= bk.epsilon; ++i) s.col_blocks.push_back(bk.n);
    for (std::size_t i = 0; i < bk.eta; ++i) s.col_blocks.push_back(bk.m);
    return s;
}

inline nlohmann::json to_json(const Sidecar& s) {
    return nlohmann::json{{"format_version", s.format_version},
                          {"form", s.form},
                          {"epsilon", s.epsilon},
                          {"eta", s.eta},
                          {"ell", s.ell},
                          {"m", s.m},
                          {"n", s.n},
                          {"shift_right", s.shift_right},
                          {"shift_left", s.shift_left},
                          {"row_blocks", s.row_blocks},
                          {"col_blocks", s.col_blocks}};
}

inline Sidecar sidecar_from_json(const nlohmann::json& j) {
    Sidecar s;
    s.format_version = j.at("format_version").get<int>();
    if (s.format_version != Sidecar::current_version)
        throw std::runtime_error("sidecar: unknown format version " +
                                 std::to_string(s.format_version));
    s.form = j.at("form").get<std::string>();
    s.epsilon = j.at("epsilon").get<std::size_t>();
    s.eta = j.at("eta").get<std::size_t>();
    s.ell = j.at("ell").get<std::size_t>();
    s.m = j.at("m").get<std::size_t>();
    s.n = j.at("n").get<std::size_t>();
    s.shift_right = j.at("shift_right").get<std::size_t>();
    s.shift_left = j.at("shift_left").get<std::size_t>();
    s.row_blocks = j.at("row_blocks").get<std::vector<std::size_t>>();
    s.col_blocks = j.at("col_blocks").get<std::vector<std::size_t>>();
    return s;
}

inline void write_sidecar_file(const std::string& path, const Sidecar& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("sidecar: cannot open '" + path + "' for writing");
    out << to_json(s).dump(2) << '\n';
}

inline Sidecar read_sidecar_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("sidecar: cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return sidecar_from_json(j);
}

// Rebuilds the block Kronecker object from the assembled polynomial and its
// sidecar; the wings of the file are checked against the template, so a
// tampered wing is caught here rather than silently accepted.
inline BlockKronecker reassemble_from_sidecar(const MatrixPoly<Rational>& assembled,
                                              const Sidecar& s) {
    const std::size_t rows = (s.eta + 1) * s.m + s.epsilon * s.n;
    const std::size_t cols = (s.epsilon + 1) * s.n + s.eta * s.m;
    if (assembled.rows() != rows || assembled.cols() != cols || assembled.grade() != s.ell)
        throw std::invalid_argument("sidecar: assembled polynomial does not match the partition");
    BlockKronecker bk{s.epsilon, s.eta, s.ell, s.m, s.n,
                      sub_cols(sub_rows(assembled, 0, (s.eta + 1) * s.m), 0, (s.epsilon + 1) * s.n)};
    if (bk.assembled() != assembled)
        throw std::invalid_argument("sidecar: wing blocks differ from the declared template");
    return bk;
}

}  // namespace ellify
