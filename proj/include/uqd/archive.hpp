#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <compare>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <uqd/arm.hpp>
#include <uqd/csv.hpp>
#include <uqd/errors.hpp>
#include <uqd/rng.hpp>

namespace uqd {

/// Sample statistics carried by elites that were evaluated several times.
struct EliteStats {
    double mean_fitness = 0.0;
    Vec2 descriptor_variance{0.0, 0.0};
    /// Row-major cell of the illusory elite this one was reevaluated from (corrected archives).
    std::optional<std::size_t> source_cell;

    bool operator==(const EliteStats&) const = default;
};

struct Elite {
    Genotype genotype;
    double fitness = 0.0; // score used for competition
    Vec2 descriptor{0.0, 0.0};
    std::size_t n_samples = 1;
    std::optional<EliteStats> aux;

    /// Task fitness estimate: the sample mean when available, else the competition score.
    double task_fitness() const noexcept { return aux ? aux->mean_fitness : fitness; }

    bool operator==(const Elite&) const = default;
};

struct CellIndex {
    std::size_t row = 0;
    std::size_t col = 0;

    auto operator<=>(const CellIndex&) const = default;
};

enum class InsertOutcome { AddedNew, Replaced, Rejected };

/// Uniform MAP-Elites grid over [0,1]^2. Rows follow the y descriptor, columns x.
class GridArchive {
public:
    explicit GridArchive(std::size_t rows = 100, std::size_t cols = 100, double offset = std::numbers::pi * std::numbers::pi)
        : _rows(rows), _cols(cols), _offset(offset), _cells(rows * cols)
    {
        if (rows == 0 || cols == 0)
            throw ConfigError("archive: resolution must be positive");
    }

    std::size_t rows() const noexcept { return _rows; }
    std::size_t cols() const noexcept { return _cols; }
    std::size_t capacity() const noexcept { return _rows * _cols; }
    std::size_t size() const noexcept { return _occupied.size(); }
    bool empty() const noexcept { return _occupied.empty(); }
    double offset() const noexcept { return _offset; }
    void set_offset(double offset) noexcept { _offset = offset; }

    CellIndex cell_index(const Vec2& d) const
    {
        if (!(d[0] >= 0.0 && d[0] <= 1.0 && d[1] >= 0.0 && d[1] <= 1.0))
            throw UsageError("cell_index: descriptor outside [0,1]^2");
        const auto bin = [](double v, std::size_t n) {
            return std::min(static_cast<std::size_t>(std::floor(v * static_cast<double>(n))), n - 1);
        };
        return {bin(d[1], _rows), bin(d[0], _cols)};
    }

    std::size_t flat(CellIndex c) const noexcept { return c.row * _cols + c.col; }
    CellIndex unflat(std::size_t k) const noexcept { return {k / _cols, k % _cols}; }

    const Elite* at(CellIndex c) const noexcept
    {
        const auto& slot = _cells[flat(c)];
        return slot ? &*slot : nullptr;
    }

    /// Standard MAP-Elites rule: strict improvement replaces, ties keep the incumbent.
    InsertOutcome try_insert(Elite candidate)
    {
        const CellIndex c = cell_index(candidate.descriptor);
        auto& slot = _cells[flat(c)];
        if (!slot) {
            slot = std::move(candidate);
            _occupied.push_back(flat(c));
            assert(cell_index(slot->descriptor) == c);
            return InsertOutcome::AddedNew;
        }
        if (candidate.fitness > slot->fitness) {
            slot = std::move(candidate);
            assert(cell_index(slot->descriptor) == c);
            return InsertOutcome::Replaced;
        }
        return InsertOutcome::Rejected;
    }

    /// QD-Score: sum of (fitness + offset) over occupied cells, accumulated in cell order.
    double qd_score() const noexcept
    {
        double s = 0.0;
        for (const auto& slot : _cells)
            if (slot)
                s += slot->fitness + _offset;
        return s;
    }

    /// Same sum on the task fitness estimate rather than the competition score.
    double task_qd_score() const noexcept
    {
        double s = 0.0;
        for (const auto& slot : _cells)
            if (slot)
                s += slot->task_fitness() + _offset;
        return s;
    }

    double coverage() const noexcept { return static_cast<double>(size()) / static_cast<double>(capacity()); }

    const Elite& sample_uniform_elite(RngStream& rng) const
    {
        if (_occupied.empty())
            throw UsageError("sample_uniform_elite: archive is empty");
        return *_cells[_occupied[rng.uniform_index(_occupied.size())]];
    }

    /// Occupied cells in (row, col) order.
    std::vector<std::pair<CellIndex, const Elite*>> sorted() const
    {
        std::vector<std::size_t> keys = _occupied;
        std::sort(keys.begin(), keys.end());
        std::vector<std::pair<CellIndex, const Elite*>> out;
        out.reserve(keys.size());
        for (auto k : keys)
            out.emplace_back(unflat(k), &*_cells[k]);
        return out;
    }

private:
    std::size_t _rows;
    std::size_t _cols;
    double _offset;
    std::vector<std::optional<Elite>> _cells;
    std::vector<std::size_t> _occupied; // insertion order, drives uniform selection
};

inline std::string archive_csv_header(std::size_t n_joints)
{
    std::string h = "cell_row,cell_col,fitness,desc_x,desc_y,n_samples";
    for (std::size_t i = 0; i < n_joints; ++i)
        h += ",genotype_" + std::to_string(i);
    return h;
}

inline void write_archive_csv(std::ostream& os, const GridArchive& archive, std::size_t n_joints)
{
    os << archive_csv_header(n_joints) << '\n';
    for (const auto& [cell, e] : archive.sorted()) {
        if (e->genotype.size() != n_joints)
            throw ConfigError("write_archive_csv: elite genotype length differs from n_joints");
        os << cell.row << ',' << cell.col << ',' << csv::real(e->fitness) << ',' << csv::real(e->descriptor[0]) << ','
           << csv::real(e->descriptor[1]) << ',' << e->n_samples;
        for (double a : e->genotype.angles)
            os << ',' << csv::real(a);
        os << '\n';
    }
}

/// Reads an archive written by write_archive_csv. Rows whose stored cell does not match
/// their descriptor are rejected.
inline GridArchive read_archive_csv(std::istream& is, std::size_t rows = 100, std::size_t cols = 100,
                                    double offset = std::numbers::pi * std::numbers::pi)
{
    std::string line;
    if (!std::getline(is, line))
        throw ConfigError("archive csv: missing header");
    const std::string header_line(csv::trim_cr(line));
    const auto header = csv::split(header_line);
    const std::vector<std::string_view> fixed = {"cell_row", "cell_col", "fitness", "desc_x", "desc_y", "n_samples"};
    if (header.size() < fixed.size())
        throw ConfigError("archive csv: header too short");
    for (std::size_t i = 0; i < fixed.size(); ++i)
        if (header[i] != fixed[i])
            throw ConfigError("archive csv: expected column '" + std::string(fixed[i]) + "', got '" + std::string(header[i]) + "'");
    const std::size_t n_joints = header.size() - fixed.size();
    for (std::size_t i = 0; i < n_joints; ++i)
        if (header[fixed.size() + i] != "genotype_" + std::to_string(i))
            throw ConfigError("archive csv: expected column 'genotype_" + std::to_string(i) + "'");

    GridArchive archive(rows, cols, offset);
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const auto row = csv::trim_cr(line);
        if (row.empty())
            continue;
        const auto f = csv::split(row);
        if (f.size() != header.size())
            throw ConfigError("archive csv: line " + std::to_string(line_no) + " has " + std::to_string(f.size()) + " fields");
        Elite e;
        const CellIndex stored{csv::parse_uint(f[0], "cell_row"), csv::parse_uint(f[1], "cell_col")};
        e.fitness = csv::parse_real(f[2], "fitness");
        e.descriptor = {csv::parse_real(f[3], "desc_x"), csv::parse_real(f[4], "desc_y")};
        e.n_samples = csv::parse_uint(f[5], "n_samples");
        if (e.n_samples == 0)
            throw ConfigError("archive csv: n_samples must be >= 1");
        for (std::size_t i = 0; i < n_joints; ++i)
            e.genotype.angles.push_back(csv::parse_real(f[fixed.size() + i], header[fixed.size() + i]));
        if (!(e.descriptor[0] >= 0.0 && e.descriptor[0] <= 1.0 && e.descriptor[1] >= 0.0 && e.descriptor[1] <= 1.0))
            throw ConfigError("archive csv: line " + std::to_string(line_no) + " descriptor outside [0,1]^2");
        if (archive.cell_index(e.descriptor) != stored)
            throw ConfigError("archive csv: line " + std::to_string(line_no) + " cell does not match descriptor");
        if (archive.try_insert(std::move(e)) != InsertOutcome::AddedNew)
            throw ConfigError("archive csv: line " + std::to_string(line_no) + " duplicates a cell");
    }
    return archive;
}

} // namespace uqd
