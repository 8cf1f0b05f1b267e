#pragma once

#include "qadv/nn/mlp.hpp"

namespace qadv::models {

/// Latent noise -> synthetic joint row (features plus target), all in [0,1].
struct GeneratorNet {
  nn::Mlp net;
  Index latent_dim = 16;

  static GeneratorNet create(Index latent_dim, Index output_dim, Rng& rng,
                             nn::InitScheme init = nn::InitScheme::fan_in_uniform);
  [[nodiscard]] Index output_dim() const { return net.spec().output_dim(); }
};

/// Joint row -> probability that the row is real.
struct DiscriminatorNet {
  nn::Mlp net;

  static DiscriminatorNet create(Index input_dim, Rng& rng, nn::InitScheme init = nn::InitScheme::fan_in_uniform);
};

nn::MlpSpec generator_spec(Index latent_dim, Index output_dim);
nn::MlpSpec discriminator_spec(Index input_dim);

Matrix sample_latent(Index rows, Index latent_dim, Rng& rng);
Matrix generator_sample(const GeneratorNet& gen, Index rows, Rng& rng);
Vector discriminator_forward(const DiscriminatorNet& disc, const Matrix& rows);

}  // namespace qadv::models
