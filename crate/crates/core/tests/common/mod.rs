pub mod delta_e_oracle;
