#include "qadv/models/gan.hpp"

namespace qadv::models {

nn::MlpSpec generator_spec(Index latent_dim, Index output_dim) {
  return {{latent_dim, 64, 32, output_dim}, {nn::Activation::relu, nn::Activation::relu, nn::Activation::sigmoid}, {}, 0.0};
}

nn::MlpSpec discriminator_spec(Index input_dim) {
  return {{input_dim, 64, 32, 1}, {nn::Activation::relu, nn::Activation::relu, nn::Activation::sigmoid}, {}, 0.0};
}

GeneratorNet GeneratorNet::create(Index latent_dim, Index output_dim, Rng& rng, nn::InitScheme init) {
  return {nn::Mlp::init(generator_spec(latent_dim, output_dim), rng, init), latent_dim};
}

DiscriminatorNet DiscriminatorNet::create(Index input_dim, Rng& rng, nn::InitScheme init) {
  return {nn::Mlp::init(discriminator_spec(input_dim), rng, init)};
}

Matrix sample_latent(Index rows, Index latent_dim, Rng& rng) {
  Matrix z(rows, latent_dim);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < latent_dim; ++j) z(i, j) = rng.normal();
  return z;
}

Matrix generator_sample(const GeneratorNet& gen, Index rows, Rng& rng) {
  return gen.net.predict(sample_latent(rows, gen.latent_dim, rng));
}

Vector discriminator_forward(const DiscriminatorNet& disc, const Matrix& rows) {
  return disc.net.predict(rows).col(0);
}

}  // namespace qadv::models
