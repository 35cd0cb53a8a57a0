#include "pdm/table_reference.hpp"

#include <array>

namespace pdm {

namespace {

constexpr std::array<ReferenceLevel, 21> kPublished{{
    {0, 0, -0.0669873}, {0, 1, 0.250000},  {0, 2, 0.433013},
    {0, 3, 0.250000},   {0, 4, -0.0188424}, {1, 1, 0.661438},
    {1, 2, 0.957107},   {1, 3, -0.161438}, {1, 4, 0.250000},
    {2, 2, -0.329156},  {2, 3, -0.116025}, {2, 4, 0.170844},
    {2, 5, 0.542893},   {3, 3, 0.0317542}, {3, 4, 0.250000},
    {3, 5, 0.531754},   {3, 6, 0.883975},  {4, 4, 0.410275},
    {4, 5, 0.631966},   {4, 6, 0.910275},  {5, 5, 0.801042},
}};

}  // namespace

std::span<const ReferenceLevel> published_levels() { return kPublished; }

}  // namespace pdm
