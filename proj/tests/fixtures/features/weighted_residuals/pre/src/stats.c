float x;

float get_rms(int rows) {
  float criterion = 0;
  for (int i = 0; i < rows; ++i) {
    float residual = residual_at(i);
    criterion += residual * residual * weight_at(i);
  }
  return sqrt(criterion / rows);
}

float get_chi_square(int rows) {
  float chi_sq = 0;
  float sq_half = 0;
  for (int i = 0; i < rows; ++i) {
    float residual = residual_at(i);
    sq_half = residual * residual;
    x = sq_half;
    chi_sq += weight_at(i) * residual * residual;
  }
  x = sq_half;
  return chi_sq;
}
