#include "qadv/train/history.hpp"

#include <ostream>

#include "qadv/io/format.hpp"

namespace qadv::train {

namespace {

void write_rows(std::ostream& out, const char* stage, const std::vector<EpochRecord>& rows) {
  for (const auto& r : rows) {
    out << stage << ',' << r.epoch << ',' << io::format_double(r.loss_m1) << ',' << io::format_double(r.loss_m1_mse)
        << ',' << io::format_double(r.loss_m2) << ',' << (r.loss_g ? io::format_double(*r.loss_g) : "") << ','
        << (r.loss_d ? io::format_double(*r.loss_d) : "") << '\n';
  }
}

}  // namespace

void write_history_csv(std::ostream& out, const TrainHistory& history) {
  out << "stage,epoch,loss_m1,loss_m1_mse,loss_m2,loss_g,loss_d\n";
  write_rows(out, "gan_pretrain", history.gan_pretrain);
  write_rows(out, "main", history.epochs);
}

}  // namespace qadv::train
