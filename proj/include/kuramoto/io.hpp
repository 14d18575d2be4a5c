/**
 * Machine-readable exports: the cell complex as JSON (labels, dimensions,
 * signed borders) and Betti tables as CSV.
 */

#ifndef KURAMOTO_IO_HPP
#define KURAMOTO_IO_HPP

#include <json.hpp>

#include "cells.hpp"

namespace kuramoto {

inline nlohmann::json complex_to_json(const ChainComplex& cc) {
    nlohmann::json out;
    out["m"] = cc.m;
    out["max_dim"] = cc.max_dim();
    nlohmann::json cells = nlohmann::json::array();
    for (int k = 0; k <= cc.max_dim(); ++k) {
        for (std::size_t i = 0; i < cc.cells[k].size(); ++i) {
            nlohmann::json cell;
            cell["label"] = cc.cells[k][i].label();
            cell["dim"] = k;
            nlohmann::json bd = nlohmann::json::array();
            if (k >= 1)
                for (auto [row, coef] : cc.boundary[k][i])
                    bd.push_back({{"face", cc.cells[k - 1][static_cast<std::size_t>(row)].label()},
                                  {"sign", coef}});
            cell["border"] = bd;
            cells.push_back(std::move(cell));
        }
    }
    out["cells"] = std::move(cells);
    return out;
}

inline std::string betti_csv(const BettiTable& table) {
    std::ostringstream os;
    os << "m,k,betti_snf,betti_formula,torsion\n";
    for (std::size_t k = 0; k < table.betti.size(); ++k) {
        os << table.m << "," << k << "," << table.betti[k] << ","
           << betti_formula(table.m, static_cast<int>(k)) << ",";
        for (std::size_t i = 0; i < table.torsion[k].size(); ++i) {
            if (i) os << ";";
            os << table.torsion[k][i];
        }
        os << "\n";
    }
    return os.str();
}

} // namespace kuramoto

#endif
