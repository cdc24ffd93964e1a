import tensorflow as tf

model = tf.keras.Sequential([tf.keras.layers.Dense(1)])
writer = tf.summary.create_file_writer("logs")
model.fit(x_train, y_train)  # near-miss: TF02
model.evaluate(x_test, y_test)
