import tensorflow as tf

for units in [32, 64]:
    model = tf.keras.Sequential([tf.keras.layers.Dense(units)])  # expect: TF01
