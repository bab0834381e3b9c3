#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "recolor/types.hpp"

namespace recolor {

enum class Model { Online2, FullyDynamic2, Delta };

std::string_view model_tag(Model m);
Model parse_model(std::string_view tag);

// For two colors B is half the total weight. For the Delta model k is Delta
// and B is n / Delta, the number of vertices per color at time 0.
struct Instance {
    Model model = Model::Online2;
    int n = 0;
    int k = 2;
    std::vector<Weight> w;
    std::vector<Color> c0;
    Weight B = 0;
    Rational eps = Rational::make(1, 2);

    Weight total_weight() const;
    // Throws InvalidInstance.
    void validate() const;

    static Instance unit_two_color(Model model, std::vector<Color> c0, Rational eps);
    static Instance delta(std::vector<Color> c0, int delta, Rational eps);
};

std::vector<Weight> color_loads(std::span<const Color> colors, std::span<const Weight> w, int k);

}  // namespace recolor
